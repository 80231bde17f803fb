"""PACFLab test suite."""
