from setuptools import setup, find_packages

setup(
    name="krlab",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples"]),
    package_data={
        "krlab": [
            "data/*.yaml",
            "data/flows/*.yaml",
            "data/scripts/*.wff",
            "data/semigroups/*.yaml",
        ]
    },
    install_requires=["pandas", "numpy", "matplotlib", "networkx", "pyyaml"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["krlab=krlab.cli:main"]},
)
