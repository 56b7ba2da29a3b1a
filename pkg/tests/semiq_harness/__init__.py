# Test package for semiq_harness
