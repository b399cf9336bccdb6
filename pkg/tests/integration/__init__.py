"""Integration tests for the Threads SDK."""
