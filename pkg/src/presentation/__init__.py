"""
Presentation Layer - User Interfaces

This layer contains:
- The `cm` command-line interface
- Formatters (console, JSON)
- Shipped JSON schemas

Depends on: Application services
"""
