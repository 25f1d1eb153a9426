"""FireBot test suite."""
