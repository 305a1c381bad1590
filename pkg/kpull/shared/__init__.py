"""Shared infrastructure: settings, logging, errors and codecs."""
