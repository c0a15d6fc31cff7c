"""Tests for chernoff-kit."""
