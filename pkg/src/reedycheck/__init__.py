"""Executable checks for closed modules over diagram categories and Reedy model structures."""

__version__ = "0.1.0"
