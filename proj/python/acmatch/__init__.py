# Copyright 2026 The acmatch Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS-IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Room acoustics matching, analysis and evaluation.

Audio is passed as 1-D float64 numpy arrays at ``SAMPLE_RATE`` (16 kHz).
Library failures raise :class:`Error`, whose ``code`` attribute holds the
failure kind (for example ``"DegenerateGeometry"``).
"""

from acmatch._core import (  # noqa: F401
    SAMPLE_RATE,
    Error,
    ImpulseResponse,
    IrPool,
    Room,
    ablation_variant,
    alter,
    blind_drr,
    blind_rt60,
    dereverberate,
    drr,
    evaluate_pair,
    generate_ir_pool,
    kernel_checks,
    match,
    measure_rt60,
    mel_l1,
    mrstft,
    read_wav,
    rte,
    sabine_rt60,
    sample_random_room,
    simulate_rir,
    stft_distance,
    synthesize_ir,
    synthesize_speech,
    write_wav,
)

__all__ = [name for name in dir() if not name.startswith("_")]
