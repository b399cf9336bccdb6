"""Tests for the Threads SDK."""
