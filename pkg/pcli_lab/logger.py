# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
"""Logging configuration for pcli_lab."""

import logging
import os
import sys

_FORMAT = "%(levelname)s %(asctime)s %(filename)s:%(lineno)d] %(message)s"
_DATE_FORMAT = "%m-%d %H:%M:%S"
_DEFAULT_LEVEL = "INFO"


class NewLineFormatter(logging.Formatter):
    """Repeats the record prefix on every line of a multi-line message."""

    def format(self, record: logging.LogRecord) -> str:
        msg = super().format(record)
        if record.message:
            prefix = msg.split(record.message)[0]
            msg = msg.replace("\n", "\r\n" + prefix)
        return msg


_root_logger = logging.getLogger("pcli_lab")
_default_handler = None


def _setup_logger():
    global _default_handler

    _root_logger.setLevel(logging.DEBUG)
    _default_handler = logging.StreamHandler(sys.stderr)
    _default_handler.flush = sys.stderr.flush  # type: ignore
    _default_handler.setLevel(
        os.getenv("LOG_LEVEL", _DEFAULT_LEVEL).upper()
    )
    _default_handler.setFormatter(
        NewLineFormatter(_FORMAT, datefmt=_DATE_FORMAT)
    )
    _root_logger.addHandler(_default_handler)
    # Keep experiment logs out of the host application's root logger.
    _root_logger.propagate = False


_setup_logger()


def init_logger(name: str) -> logging.Logger:
    """Return a child of the ``pcli_lab`` logger honouring ``LOG_LEVEL``."""
    logger = logging.getLogger(name)
    log_level = os.getenv("LOG_LEVEL", _DEFAULT_LEVEL).upper()
    logger.setLevel(log_level)
    if _default_handler:
        _default_handler.setLevel(log_level)
    if not name.startswith("pcli_lab"):
        # Outside the package tree, attach the shared handler directly.
        logger.addHandler(_default_handler)
        logger.propagate = False
    return logger
