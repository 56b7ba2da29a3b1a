# Test package for SimBuilder
