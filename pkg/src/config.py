import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

SCHEMA_VERSION = "1.0"
LIBRARY_VERSION = "0.1.0"

# Closed-ball slack: rho <= r * (1 + BALL_RTOL) + BALL_ATOL
BALL_RTOL = 1e-12
BALL_ATOL = 1e-14

# Reference-quadrature level used when a density measure is sampled
DENSITY_LEVELS = {"circle": 1024, "sphere2": 48, "torus2": 48}


class Settings(BaseModel):
    """Environment-driven runtime settings."""

    threads: int = Field(default=1, ge=1, description="Worker threads for trial and probe loops")
    out_dir: str = Field(default="reports", description="Default report directory")
    gram_cap: int = Field(default=2048, ge=1, description="Largest dim Pi_L for the Gram route")
    lp_max_variables: int = Field(default=2000, ge=1, description="Above this the solver uses NNLS")
    log_level: str = Field(default="INFO")


settings = Settings(
    threads=int(os.getenv("MZLAB_THREADS", "1")),
    out_dir=os.getenv("MZLAB_OUT_DIR", "reports"),
    gram_cap=int(os.getenv("MZLAB_GRAM_CAP", "2048")),
    lp_max_variables=int(os.getenv("MZLAB_LP_MAX_VARIABLES", "2000")),
    log_level=os.getenv("MZLAB_LOG_LEVEL", "INFO"),
)
