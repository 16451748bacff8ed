from fastapi import APIRouter, Depends, HTTPException, status
from sqlalchemy.orm import Session
from typing import List
import logging

from ..exceptions import BudgetExceededError, DomainError
from ..models.base import get_db
from ..models.simulation_run import SimulationRun, archive_report
from ..schemas import SimulationRequest, SimulationResponse, SimulationRunDetail, SimulationRunResponse
from ..simulator import SimulationReport, estimate_error_probability

# Set up logging
logger = logging.getLogger(__name__)

router = APIRouter(prefix="/simulations", tags=["simulations"])


@router.post("/", response_model=SimulationResponse, status_code=status.HTTP_201_CREATED)
def create_simulation(request: SimulationRequest, db: Session = Depends(get_db)):
    """
    Run a Monte Carlo error-probability estimate and archive the report
    """
    try:
        report = estimate_error_probability(
            request.scenario,
            request.model,
            request.ensemble,
            trials=request.trials,
            seed=request.seed,
            workers=request.workers,
            fixed_matrix=request.fixed_matrix,
        )
        run = archive_report(db, report)
        logger.info(f"Archived simulation run {run.id}: {report.verdict.value}")
        return SimulationResponse(run_id=run.id, report=report)

    except HTTPException:
        raise
    except BudgetExceededError as e:
        raise HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(e))
    except DomainError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except Exception as e:
        db.rollback()
        logger.error(f"Error running simulation: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error running simulation: {str(e)}"
        )


@router.get("/", response_model=List[SimulationRunResponse])
def list_simulations(skip: int = 0, limit: int = 100, db: Session = Depends(get_db)):
    """
    List archived simulation runs, newest first
    """
    try:
        runs = (
            db.query(SimulationRun)
            .order_by(SimulationRun.id.desc())
            .offset(skip)
            .limit(limit)
            .all()
        )
        return runs

    except Exception as e:
        logger.error(f"Error listing simulations: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error listing simulations: {str(e)}"
        )


@router.get("/{run_id}", response_model=SimulationRunDetail)
def get_simulation(run_id: int, db: Session = Depends(get_db)):
    """
    Fetch one archived run with its full report
    """
    try:
        run = db.query(SimulationRun).filter(SimulationRun.id == run_id).first()
        if not run:
            raise HTTPException(
                status_code=status.HTTP_404_NOT_FOUND,
                detail="Simulation run not found"
            )

        summary = SimulationRunResponse.model_validate(run)
        return SimulationRunDetail(
            **summary.model_dump(),
            report=SimulationReport.model_validate_json(run.report_json),
        )

    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Error fetching simulation {run_id}: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error fetching simulation: {str(e)}"
        )
