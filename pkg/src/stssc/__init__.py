"""Cooperative relay link simulator built on distributed space-time codes"""

__version__ = "0.1.0"
