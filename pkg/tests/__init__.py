"""Tests for the HII principal series toolkit."""
