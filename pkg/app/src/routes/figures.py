from fastapi import APIRouter, HTTPException, Response, status
import io
import logging

from ..exceptions import DomainError
from ..figures import FigureId, FigureSpec, FigureTable, build_figure

# Set up logging
logger = logging.getLogger(__name__)

router = APIRouter(prefix="/figures", tags=["figures"])


@router.get("/", response_model=list[str])
def list_figures():
    """
    List the available figure ids
    """
    return [figure_id.value for figure_id in FigureId]


@router.get("/{figure_id}", response_model=FigureTable)
def get_figure(figure_id: FigureId, format: str = "json"):
    """
    Figure data with default grids, as JSON or CSV (?format=csv)
    """
    try:
        if format not in ("json", "csv"):
            raise HTTPException(
                status_code=status.HTTP_400_BAD_REQUEST,
                detail=f"Unsupported format: {format}"
            )

        table = build_figure(FigureSpec(figure_id=figure_id))
        if format == "csv":
            buffer = io.StringIO()
            table.write_csv(buffer)
            return Response(content=buffer.getvalue(), media_type="text/csv")
        return table

    except HTTPException:
        raise
    except DomainError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except Exception as e:
        logger.error(f"Error building figure {figure_id.value}: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Error building figure: {str(e)}"
        )
