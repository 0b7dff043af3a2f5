"""Problem instances and classical oracles."""
