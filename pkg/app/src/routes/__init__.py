# Routes package
from .bounds import router as bounds_router
from .figures import router as figures_router
from .simulations import router as simulations_router
