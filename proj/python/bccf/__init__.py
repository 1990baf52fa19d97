# Copyright 2026 The bccf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Adaptive BCCF-tree label index."""

from ._bccf import (
    DimensionMismatch,
    Engine,
    Error,
    InputError,
    InvalidConfig,
    InvalidScene,
    bench_scaling,
    capacity_for,
    distance,
    track_run,
)

__all__ = [
    "DimensionMismatch",
    "Engine",
    "Error",
    "InputError",
    "InvalidConfig",
    "InvalidScene",
    "bench_scaling",
    "capacity_for",
    "distance",
    "track_run",
]
