"""Guard-regex automata"""
