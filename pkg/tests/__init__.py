"""
Test Suite for the Cyclic and Milnor K-theory Toolkit

Unit tests for every service plus end-to-end tests of the `cm` CLI.

Test modules:
- test_group_service.py: Smith normal form, presentations, kernels, complexes
- test_algebra_service.py: Algebras, nilpotent pairs, units, stability
- test_kahler_service.py: Kähler differentials and de Rham
- test_cyclic_service.py: Hochschild, cyclic and negative cyclic homology
- test_milnor_service.py: Milnor K-groups, Dennis-Stein symbols, dlog
- test_goodwillie_service.py: φ, ψ and the relative comparison
- test_spectral_service.py: Exact couples, pages, convergence
- test_config_loader.py: Config parsing, validation and settings
- test_verification_service.py: The `cm verify` suites
- test_cli.py: run(argv), exit codes and reports

Run all tests:
    pytest tests/ -v

Skip acceptance-scale computations:
    pytest tests/ -m "not slow"

Run with coverage:
    pytest tests/ --cov=src --cov-report=html
"""
