"""Tests for rectvar."""
