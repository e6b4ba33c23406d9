"""Configuration sources"""
from .file import FromFile, FromJson, FromKeyValue, THIS_DIR

__all__ = ["FromFile", "FromJson", "FromKeyValue", "THIS_DIR"]
