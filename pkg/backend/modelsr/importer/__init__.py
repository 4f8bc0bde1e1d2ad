# File formats
from .file_io import (
    FLOAT_FORMAT,
    read_config_json,
    read_measurement_csv,
    read_model_json,
    read_report_json,
    read_signal_csv,
    read_trials_csv,
    write_frame,
    write_json,
    write_measurement_csv,
    write_model_json,
    write_report_json,
    write_signal_csv,
)
