"""Dynamic treewidth engine."""
