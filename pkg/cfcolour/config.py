from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"

    # Exact solver limits
    exact_max_vertices: int = 12
    exact_max_subsets: int = 21
    lbunion_max_n: int = 10
    interval_table_max_n: int = 7
    tower_max_digits: int = 1_000_000

    # Empirical HLD estimate
    hld_sample_budget: int = 200
    hld_exhaustive_size: int = 6

    # Instances and reports
    default_seed: int = 0
    report_wall_time: bool = True
    disc_perturbation_attempts: int = 8

    # Union hypergraph verification
    union_exhaustive_max_edges: int = 150
    union_sample_size: int = 300

    class Config:
        env_file = ".env"
        env_prefix = "CFCOLOUR_"

settings = Settings()
