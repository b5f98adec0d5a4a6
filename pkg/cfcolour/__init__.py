"""Conflict-free colourings of hypergraphs and of their t-subsets."""
