# do not remove, required for package imports
