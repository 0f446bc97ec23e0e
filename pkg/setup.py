#!/usr/bin/env python
"""Setup script for the contextuality workbench."""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="contextuality-workbench",
    version="0.1.0",
    description="Construction and machine checks of the N-vertex Hardy-like paradox and extended KCBS inequality",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=["src"] + [f"src.{p}" for p in find_packages(where="src")],
    python_requires=">=3.10",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "qcw=src.run:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
    ],
)
