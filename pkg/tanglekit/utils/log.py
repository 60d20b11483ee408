"""
Console and file logging for tanglekit.

Console lines go to stdout (info, debug, success) or stderr (warn, error).
Quiet mode drops the stdout lines so a JSON document printed by the CLI
stays the only thing on stdout. The log file receives every emitted line
tagged with its level.
"""

import sys
from typing import Optional, TextIO

# Global settings
_verbose = False
_quiet = False
_log_file: Optional[str] = None


def set_verbosity(verbose: bool) -> None:
    """Show debug lines and exception tracebacks."""
    global _verbose
    _verbose = verbose


def set_quiet(quiet: bool) -> None:
    """Drop stdout lines (stderr and the log file are unaffected)."""
    global _quiet
    _quiet = quiet


def set_log_file(path: Optional[str]) -> None:
    """Append every emitted line to `path`; None turns file logging off."""
    global _log_file
    _log_file = path


def _emit(level: str, message: str, stream: TextIO, prefix: str = "") -> None:
    line = f"{prefix}{message}"
    if not (_quiet and stream is sys.stdout):
        print(line, file=stream)

    if _log_file:
        with open(_log_file, 'a', encoding='utf-8') as f:
            f.write(f"[{level}] {line}\n")


def info(message: str) -> None:
    _emit('INFO', message, sys.stdout)


def debug(message: str) -> None:
    """Only emitted when verbose."""
    if _verbose:
        _emit('DEBUG', message, sys.stdout)


def warn(message: str) -> None:
    _emit('WARN', message, sys.stderr, "Warning: ")


def error(message: str) -> None:
    _emit('ERROR', message, sys.stderr, "Error: ")


def success(message: str) -> None:
    _emit('OK', message, sys.stdout)


def exception(message: str, exc: Exception) -> None:
    """Log an unexpected exception; the traceback follows when verbose."""
    import traceback
    error(f"{message}: {exc}")
    if _verbose:
        traceback.print_exc()
