# Test package for semiq_dynamics
