"""
Domain Layer - Core Mathematics

This layer contains:
- Domain entities (coefficients, matrices, groups, algebras, complexes)
- Structural validation
- Domain exceptions
- Capacity limits

Depends on sympy for exact number theory only.
"""
