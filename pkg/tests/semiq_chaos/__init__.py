# Test package for semiq_chaos
