import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from src.models.base import init_db
from src.models.ensemble import EnsembleKind, EnsembleSpec
from src.models.scenario import Distortion, Scenario
from src.models.signal import SignalKind, SignalModel


@pytest.fixture
def bernoulli():
    return SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=0.5)


@pytest.fixture
def sparse_gaussian():
    return SignalModel(kind=SignalKind.SparseGaussian, alpha=0.5)


@pytest.fixture
def dense():
    return EnsembleSpec(kind=EnsembleKind.GaussianDense)


@pytest.fixture
def hamming_scenario():
    return Scenario(n=100, m=50, snr=10.0, d0=0.0, distortion=Distortion.Hamming)


@pytest.fixture
def session_factory():
    """In-memory archive shared across threads."""
    engine = create_engine(
        "sqlite://",
        connect_args={"check_same_thread": False},
        poolclass=StaticPool,
    )
    init_db(bind=engine)
    yield sessionmaker(autocommit=False, autoflush=False, bind=engine)
    engine.dispose()


@pytest.fixture
def db_session(session_factory):
    db = session_factory()
    try:
        yield db
    finally:
        db.close()
