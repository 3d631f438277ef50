"""HumanATL[F] formulas, guards and fuzzy connectives"""
