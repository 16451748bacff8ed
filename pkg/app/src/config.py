import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# Simulation budgets
SENSECAP_MAX_N: int = int(os.getenv("SENSECAP_MAX_N", "20"))
SENSECAP_MAX_CANDIDATES: int = int(os.getenv("SENSECAP_MAX_CANDIDATES", str(2**20)))

# Parallelism
SENSECAP_WORKERS: int = int(os.getenv("SENSECAP_WORKERS", "1"))
SENSECAP_TRIAL_CHUNK: int = int(os.getenv("SENSECAP_TRIAL_CHUNK", "256"))

# Cover constant K in bits (squared distortion); log2(2) = 1 bit
SENSECAP_COVER_K_BITS: float = float(os.getenv("SENSECAP_COVER_K_BITS", "1.0"))

# Simulation run archive
DATABASE_URL: str = os.getenv("DATABASE_URL", "sqlite:///./sensecap.db")

# Some hosts hand out postgres:// URLs, SQLAlchemy wants postgresql://
if DATABASE_URL.startswith("postgres://"):
    DATABASE_URL = DATABASE_URL.replace("postgres://", "postgresql://", 1)

# Environment
ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development")
DEBUG: bool = ENVIRONMENT == "development"
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").upper()

logger.debug(f"Environment: {ENVIRONMENT}, workers={SENSECAP_WORKERS}, max_n={SENSECAP_MAX_N}")
logger.debug(f"Database URL: {DATABASE_URL[:30]}..." if len(DATABASE_URL) > 30 else f"Database URL: {DATABASE_URL}")
