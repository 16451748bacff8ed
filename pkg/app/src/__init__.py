# sensecap: sensing capacity bounds and Monte Carlo validation
__version__ = "1.0.0"
