"""
Packaging the cooperative relay link simulator
"""
import os
from setuptools import find_packages, setup


_DIR = os.path.abspath(os.path.dirname(__file__))


def f_content(file_path):
    """Get contents of a file

    :param file_path: file path relative to this file
    :type file_path: str
    :rtype: str"""
    with open(os.path.join(_DIR, file_path), 'r') as f_obj:
        return f_obj.read()


def requirements(file_path):
    """Package names from a requirements file, options and comments skipped

    :param file_path: file path relative to this file
    :rtype: list"""
    lines = (line.strip() for line in f_content(file_path).splitlines())
    return [line for line in lines if line and not line.startswith(('#', '-'))]


LONG_DESCRIPTION = f_content('README.md')


setup(
    name='stssc-sim',
    version='0.1.0',
    author='James Wanderi',
    author_email='wanderikinyanjui@gmail.com',
    description='Monte Carlo link simulator for distributed space-time coded relaying',
    long_description=LONG_DESCRIPTION,
    zip_safe=False,
    platforms='any',
    packages=find_packages("src", exclude=["tests"]),
    package_dir={"": "src"},
    package_data={"stssc.config": ["conf/*.json"]},
    python_requires='>=3.8',
    install_requires=requirements('requirements/base.txt'),
    entry_points={
        'console_scripts': ['stssc-sim=stssc.harness.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: POSIX',
        'Operating System :: MacOS',
        'Operating System :: Unix',
        'Operating System :: Microsoft :: Windows',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
    ]
)
