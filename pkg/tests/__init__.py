"""
Tests for Bugster CLI.
"""
