from pathlib import Path

from setuptools import find_packages
from setuptools import setup

dir_path = Path(__file__).resolve().parent

with dir_path.joinpath('ginlab').joinpath('version.py').open('r') as fp:
    exec(fp.read())


def read_requirements_file(filename):
    req_file = dir_path.joinpath(filename)
    with req_file.open('r') as f:
        return [line.strip() for line in f if line.strip()]


packages = find_packages()
ginlab_pkgs = []
for p in packages:
    if p == 'ginlab' or p.startswith('ginlab.'):
        ginlab_pkgs.append(p)

setup(
    name='ginlab',
    version=__version__,
    license='MIT',
    packages=ginlab_pkgs,
    python_requires='>=3.8',
    install_requires=read_requirements_file('requirements.txt'),
    extras_require={'test': ['pytest']},
    entry_points={
        'console_scripts': ['ginlab=ginlab.cli:main']
    }
)
