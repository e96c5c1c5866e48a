from setuptools import find_packages, setup

setup(
    name="jacobi-diagrams",
    version="0.1",
    packages=find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    python_requires=">=3.10",
    install_requires=[
        "click>=8.1",
        "sympy>=1.13",
        "typing_extensions>=4.4; python_version < '3.12'",
    ],
    entry_points={
        "console_scripts": [
            "jd=jacobi:main",
        ],
    },
)
