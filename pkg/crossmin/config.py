import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables
load_dotenv()


class Settings(BaseModel):
    jobs: int = Field(1, ge=1, description="Default number of parallel benchmark workers")
    master_seed: int = Field(0, ge=0, description="Matrix-level seed combined with permutation indices")
    subgraph_seed: int = Field(0, ge=0, description="Order seed of the shared maximal planar subgraph")
    sweep_cap: int = Field(100, ge=1, description="Safety cap on postprocessing sweeps")
    log_level: str = "WARNING"
    debug_validate: bool = False


def _flag(value: str | None) -> bool:
    return (value or "").strip().lower() in {"1", "true", "yes", "on"}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings(
        jobs=int(os.getenv("CROSSMIN_JOBS", "1")),
        master_seed=int(os.getenv("CROSSMIN_MASTER_SEED", "0")),
        subgraph_seed=int(os.getenv("CROSSMIN_SUBGRAPH_SEED", "0")),
        sweep_cap=int(os.getenv("CROSSMIN_SWEEP_CAP", "100")),
        log_level=os.getenv("CROSSMIN_LOG_LEVEL", "WARNING").upper(),
        debug_validate=_flag(os.getenv("CROSSMIN_DEBUG_VALIDATE")),
    )
