# Test package for semiq_limit
