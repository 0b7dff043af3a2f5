"""
Tests for Bugster utils.
"""
