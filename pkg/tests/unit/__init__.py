"""Unit tests for the Threads SDK."""
