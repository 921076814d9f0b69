from ._core import (
    DomainError,
    FeasibilityError,
    InstanceTooLarge,
    ParseError,
    SimConfig,
    ValidationError,
    best_response_power,
    config_keys,
    content_popularity,
    csv_header,
    generate_topology,
    load_config,
    parse_config,
    path_loss_db,
    rate,
    run_drop,
    run_sweep_csv,
)

__all__ = [
    "DomainError",
    "FeasibilityError",
    "InstanceTooLarge",
    "ParseError",
    "SimConfig",
    "ValidationError",
    "best_response_power",
    "config_keys",
    "content_popularity",
    "csv_header",
    "generate_topology",
    "load_config",
    "parse_config",
    "path_loss_db",
    "rate",
    "run_drop",
    "run_sweep_csv",
]
