# Test package for semiq_maxent
