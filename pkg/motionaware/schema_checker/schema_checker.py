#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#

# %%
import json
import logging
from functools import lru_cache
from pathlib import Path

import jsonschema as jschema
import pkg_resources

logger = logging.getLogger(__name__)

# %%
# Schema files shipped with the package
KEYFRAMES_SCHEMA_FILE = Path(
    pkg_resources.resource_filename(
        "motionaware", "schema_checker/schemas/keyframes_v1.json"
    )
)
assert KEYFRAMES_SCHEMA_FILE.exists(), "Can't find schema file {}".format(
    KEYFRAMES_SCHEMA_FILE
)
MOTION_FIELD_SCHEMA_FILE = Path(
    pkg_resources.resource_filename(
        "motionaware", "schema_checker/schemas/motion_field_v1.json"
    )
)
assert MOTION_FIELD_SCHEMA_FILE.exists(), "Can't find schema file {}".format(
    MOTION_FIELD_SCHEMA_FILE
)


# %%
def load_serial_data_file_path(file_path):
    file_path_obj = Path(file_path)
    assert file_path_obj.exists(), "File path {} does not exist".format(file_path)
    assert file_path_obj.is_file()

    with open(file_path_obj) as fp:
        return json.load(fp)


# %%


@lru_cache(maxsize=None)
def validator_file(schema_file):
    logger.debug("Schema: {}".format(schema_file))
    this_json_schema_dict = load_serial_data_file_path(schema_file)
    return jschema.validators.Draft7Validator(this_json_schema_dict)


# %% Wrapper over jschema.Draft7Validator.validate()


def validate_dict(this_json_dict, schema_file):
    validator = validator_file(schema_file)
    return validator.validate(this_json_dict)


# %%
# Wrapper over jschema.Draft7Validator.is_valid()


def is_valid_dict(this_json_dict, schema_file=KEYFRAMES_SCHEMA_FILE):
    validator = validator_file(schema_file)
    return validator.is_valid(this_json_dict)


# %% Wrapper over jschema.Draft7Validator.iter_errors()
def list_errors(json_dict, schema_file):
    """Summarize every validation error as ("Error <i> at <path>", error)."""
    validator = validator_file(schema_file)

    errors = sorted(validator.iter_errors(json_dict), key=lambda e: list(e.path))
    error_summary = list()
    for i, err in enumerate(errors):
        stack_path = [str(p) for p in err.relative_path]
        error_string = "Error {} at {}: {}".format(i, "/".join(stack_path), err.message)
        error_summary.append((error_string, err))
    return error_summary
