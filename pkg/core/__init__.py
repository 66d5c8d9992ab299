# Closed-form superradiant-frame pipeline

__version__ = "0.1.0"
