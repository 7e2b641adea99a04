"""TRIP maps, combo classes and cubic-unit periodicity, in exact arithmetic."""
