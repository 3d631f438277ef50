"""Natural strategies and their bounded enumeration"""
