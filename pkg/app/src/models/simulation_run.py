# src/models/simulation_run.py
from .base import Base
from sqlalchemy import (
    Column,
    String,
    Integer,
    BigInteger,
    Float,
    Text,
    DateTime,
    func,
)


class SimulationRun(Base):
    __tablename__ = "simulation_runs"

    id = Column(Integer, primary_key=True, index=True)
    created_at = Column(DateTime(timezone=True), server_default=func.now(), nullable=False)
    seed = Column(BigInteger, nullable=False)
    n = Column(Integer, nullable=False)
    m = Column(Integer, nullable=False)
    alpha = Column(Float, nullable=False)
    snr = Column(Float, nullable=False)
    d0 = Column(Float, nullable=False)
    trials = Column(Integer, nullable=False)
    errors = Column(Integer, nullable=False)
    p_hat = Column(Float, nullable=False)
    verdict = Column(String(32), nullable=False, index=True)
    # Full SimulationReport as JSON, the columns above are for querying
    report_json = Column(Text, nullable=False)


def archive_report(db, report):
    """Store a SimulationReport and return the new row."""
    scenario = report.scenario
    run = SimulationRun(
        seed=report.seed,
        n=scenario.scenario.n,
        m=scenario.scenario.m,
        alpha=scenario.model.alpha,
        snr=scenario.scenario.snr,
        d0=scenario.scenario.d0,
        trials=report.trials,
        errors=report.errors,
        p_hat=report.p_hat,
        verdict=report.verdict.value,
        report_json=report.model_dump_json(),
    )
    db.add(run)
    db.commit()
    db.refresh(run)
    return run
