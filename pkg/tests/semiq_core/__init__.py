# Test package for semiq_core
