"""Tests for orbit-subspace-codes."""
