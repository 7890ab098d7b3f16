major = 0
minor = 1
patch = 0
