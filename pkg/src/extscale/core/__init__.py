"""Shared configuration, record models and exceptions."""
