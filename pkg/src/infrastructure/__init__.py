"""
Infrastructure Layer - Concrete Implementations

This layer contains:
- The exact elimination backend
- Environment settings and the JSON config loader
- The service container

Depends on: Application interfaces
"""
