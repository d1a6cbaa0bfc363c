import os

from setuptools import setup

with open(os.path.join(os.path.dirname(__file__),
                       "pairaudit", "VERSION")) as version_file:
    version = version_file.read().strip()

with open("README.md") as f:
    long_description = f.read()

with open('requirements/requirements.txt') as fp:
    install_requires = fp.read()


setup(
    name="pairaudit",
    version=version,
    packages=['pairaudit', 'pairaudit.utils', 'pairaudit.trace',
              'pairaudit.audit'],
    package_data={'pairaudit': ['VERSION']},
    include_package_data=True,
    install_requires=install_requires,
    entry_points={
        'console_scripts': ['pairaudit=pairaudit.cli:main']},
    author="pairaudit authors and contributors",
    author_email="",
    description="pairaudit is a Python package with a pairing heap and an "
                "offline auditor that checks the amortized costs of "
                "operation traces against a potential function.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="BSD",
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering']
)
