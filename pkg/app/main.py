from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
import logging
import uvicorn
from src.config import LOG_LEVEL
from src.models.base import init_db
from src.routes.bounds import router as bounds_router
from src.routes.figures import router as figures_router
from src.routes.simulations import router as simulations_router

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    init_db()
    logger.info("Simulation archive ready")
    yield


app = FastAPI(
    title="SenseCap API",
    description="Sensing capacity bounds, figure data and Monte Carlo validation",
    version="1.0.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(bounds_router)
app.include_router(figures_router)
app.include_router(simulations_router)

@app.get("/health")
def health_check():
    return {"status": "ok"}

if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
