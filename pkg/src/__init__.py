"""HATLF - HumanATL[F] model checking and natural-strategy synthesis"""
__version__ = '1.0.0'
