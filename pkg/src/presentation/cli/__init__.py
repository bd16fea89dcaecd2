"""
CLI Interface

Command-line interface for the application.
"""
