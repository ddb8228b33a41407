from setuptools import setup

requirements = ['loguru', 'typing-extensions']

with open('README.md', 'r', encoding='utf-8') as fh:
    long_description = fh.read()

setup(
    name='gamecover',
    version='0.1.0',
    packages=['gamecover'],
    description='Exact half-space cover tests, indifference certificates and 3x3 class screening for matrix games.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
    ],
    install_requires=requirements,
    extras_require={
        'testing': requirements + ['flake8', 'pytest', 'pytest-cov', 'pytest-socket',
                                   'pytest-mock', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['gamecover = gamecover.cli:main'],
    },
    python_requires='>=3.7.0',
)
