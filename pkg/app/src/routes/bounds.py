from fastapi import APIRouter, HTTPException, status
import logging

from ..evaluation import evaluate_bounds
from ..exceptions import DomainError
from ..schemas import BoundsRequest, BoundsResponse, ValidateRequest
from ..validation import ValidationReport, validate

# Set up logging
logger = logging.getLogger(__name__)

router = APIRouter(prefix="/bounds", tags=["bounds"])


@router.post("/evaluate", response_model=BoundsResponse)
def evaluate(request: BoundsRequest):
    """
    Evaluate every applicable bound for a scenario, model and ensemble
    """
    try:
        report = validate(request.scenario, request.model, request.ensemble)
        if not report.ok and not request.force:
            raise HTTPException(
                status_code=status.HTTP_409_CONFLICT,
                detail=[v.model_dump() for v in report.violations],
            )

        rows = evaluate_bounds(request.scenario, request.model, request.ensemble, request.options)
        logger.info(f"Evaluated {len(rows)} bounds for n={request.scenario.n}, m={request.scenario.m}")
        return BoundsResponse(validation=report, rows=rows)

    except HTTPException:
        raise
    except DomainError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except Exception as e:
        logger.error(f"Error evaluating bounds: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error evaluating bounds: {str(e)}"
        )


@router.post("/validate", response_model=ValidationReport)
def validate_scenario(request: ValidateRequest):
    """
    Check a scenario against the preconditions of its bounds
    """
    try:
        return validate(request.scenario, request.model, request.ensemble)

    except DomainError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except Exception as e:
        logger.error(f"Error validating scenario: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error validating scenario: {str(e)}"
        )
