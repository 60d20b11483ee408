"""tanglekit parsers."""

from .state_parser import (
    StateParsingError,
    parse_state_json,
    load_state_file,
    dump_state,
    state_to_dict,
)

__all__ = [
    'StateParsingError',
    'parse_state_json',
    'load_state_file',
    'dump_state',
    'state_to_dict',
]
