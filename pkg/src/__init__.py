"""
Core package for the cumulative inaccuracy toolkit.
"""
