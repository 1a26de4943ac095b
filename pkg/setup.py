from setuptools import find_packages, setup

setup(
    name='positroids',
    packages=find_packages(),
    version='0.1.0',
    description='Positroid recognition, bonding and excluded-minor '
                'checks for small matroids.',
    author='kabix09',
    license='MIT',
    install_requires=[
        'numpy',
        'pandas',
        'networkx',
        'joblib>=1.3',
        'tqdm',
        'click>=8.2',
        'python-dotenv>=0.5.1',
    ],
    entry_points={
        'console_scripts': ['positroids=src.cli:main'],
    },
)
