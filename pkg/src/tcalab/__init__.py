"""Typed combinatory algebras, apartness types and converse-extensionality witnesses."""

__version__ = "0.1.0"
