import re

from setuptools import find_packages, setup

# Read version from fourierlcu/__init__.py
with open("fourierlcu/__init__.py", encoding="utf-8") as f:
    version_match = re.search(r'__version__ = ["\']([^"\']*)["\']', f.read())
    if version_match:
        version = version_match.group(1)
    else:
        raise RuntimeError("Unable to find version string.")

setup(
    name="fourierlcu",
    version=version,
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "annotated-types==0.7.0",
        "click==8.2.1",
        "loguru==0.7.3",
        "markdown-it-py==3.0.0",
        "mdurl==0.1.2",
        "networkx==3.4.2",
        "numpy==2.2.6",
        "pydantic==2.11.7",
        "pydantic-settings==2.10.1",
        "pydantic_core==2.33.2",
        "Pygments==2.19.2",
        "python-dotenv==1.1.1",
        "PyYAML==6.0.2",
        "rich==14.1.0",
        "scipy==1.15.3",
        "shellingham==1.5.4",
        "typer==0.16.0",
        "typing-inspection==0.4.1",
        "typing_extensions==4.14.1",
    ],
    entry_points={
        "console_scripts": [
            "fourierlcu=fourierlcu.cli:main",
        ],
    },
    author="fourierlcu developers",
    description="Fourier LCU decompositions and sampled QAOA experiments for constrained optimization",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    keywords="quantum, qaoa, lcu, quasi-probability, simulation, cli",
    python_requires=">=3.10",
)
