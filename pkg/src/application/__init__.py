"""
Application Layer - Computations and Checks

This layer contains:
- Service classes, one per mathematical area
- Interface definitions (the elimination backend, the config loader)

Depends on: Domain layer
Used by: Presentation layer
"""
