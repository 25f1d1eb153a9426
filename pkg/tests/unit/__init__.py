"""Unit tests for FireBot."""
