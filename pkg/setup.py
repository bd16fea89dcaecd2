"""
Setup script for the cyclic and Milnor K-theory toolkit.

This allows the package to be installed in development mode:
    pip install -e .

Which makes the 'src' module available for imports and installs `cm`.
"""

from setuptools import setup, find_packages

setup(
    name="cyclic-milnor-toolkit",
    version="1.0.0",
    description="Exact cyclic homology, Kähler differentials and Milnor K-theory of finite algebras",
    author="Cyclic Milnor Toolkit Authors",
    python_requires=">=3.9",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    package_data={"src.presentation": ["schemas/*.json"]},
    install_requires=[
        "sympy>=1.12",
        "pytest>=7.4.0",
        "pytest-cov>=4.1.0",
    ],
    entry_points={
        "console_scripts": [
            "cm=src.presentation.cli.main:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
