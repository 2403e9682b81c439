from setuptools import setup, find_packages

setup(
    name='PySingularLattice',
    version='0.1',
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "cryptography"
    ],
    extras_require={
        "test": ["pytest"]
    },
    entry_points={
        "console_scripts": ["singular-lattice=Cli.main:main"]
    },
)
