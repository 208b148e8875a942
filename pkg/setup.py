from pathlib import Path

from setuptools import find_packages, setup

requirements = [
    line.strip()
    for line in Path("requirements.txt").read_text().splitlines()
    if line.strip() and not line.startswith("#") and not line.startswith(("pytest", "setuptools"))
]

setup(
    name="crossmin",
    version="0.1.0",
    description="Heuristic crossing minimization with optimal fixed-embedding insertion",
    packages=find_packages(exclude=("tests", "scripts")),
    python_requires=">=3.10",
    install_requires=requirements,
    extras_require={"test": ["pytest==7.4.0"]},
    entry_points={"console_scripts": ["crossmin=crossmin.main:cli"]},
)
