# Copyright 2026 The seldkit Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Sound event localization and detection toolkit."""

from ._seldkit import (
    SeldError,
    angular_distance,
    azel_to_unit,
    collapse_tracks,
    ds_beamform,
    encode_foa,
    estimate_doa,
    fusion_attention,
    fusion_forward,
    ground_truth_csv,
    hungarian,
    intensity_vectors,
    istft,
    logmel,
    pit_doa_loss,
    pit_sed_loss,
    random_fusion_weights,
    render_mic_array,
    reorder_csv,
    seld_metrics,
    seld_score,
    stft,
    unit_to_azel,
)

__all__ = [
    "SeldError",
    "angular_distance",
    "azel_to_unit",
    "collapse_tracks",
    "ds_beamform",
    "encode_foa",
    "estimate_doa",
    "fusion_attention",
    "fusion_forward",
    "ground_truth_csv",
    "hungarian",
    "intensity_vectors",
    "istft",
    "logmel",
    "pit_doa_loss",
    "pit_sed_loss",
    "random_fusion_weights",
    "render_mic_array",
    "reorder_csv",
    "seld_metrics",
    "seld_score",
    "stft",
    "unit_to_azel",
]
