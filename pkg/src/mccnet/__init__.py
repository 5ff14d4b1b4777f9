"""Music Clips Correlation Networks.

Pipeline: WAV -> MFCC matrix -> clip similarity graph -> structural metrics
-> weighted dissimilarity against four reference military-strategy
topologies (RTN, RAN, SOS, BA-NW-C2NM), plus force-directed SVG rendering.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .audio_io import AudioBuffer, load_wav, save_wav
from .compare import DEFENSE, OFFENSE, WeightProfile, compare_group, dissimilarity
from .graphs import Graph, MetricVector, Partition, metric_vector
from .layout import LayoutParams, LayoutResult, yifan_hu_layout
from .mfcc import MfccConfig, MfccMatrix, compute_mfcc
from .milnet import gen_ba_nw_c2nm, gen_ran, gen_rtn, gen_sos, reference_metrics
from .network import ClipFeature, Mccn, build_mccn, segment_clips
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "AudioBuffer",
    "ClipFeature",
    "DEFENSE",
    "Graph",
    "KERNEL_BACKEND",
    "LayoutParams",
    "LayoutResult",
    "Mccn",
    "MetricVector",
    "MfccConfig",
    "MfccMatrix",
    "OFFENSE",
    "Partition",
    "WeightProfile",
    "build_mccn",
    "compare_group",
    "compute_mfcc",
    "dissimilarity",
    "gen_ba_nw_c2nm",
    "gen_ran",
    "gen_rtn",
    "gen_sos",
    "load_wav",
    "metric_vector",
    "reference_metrics",
    "render_svg",
    "save_wav",
    "segment_clips",
    "yifan_hu_layout",
]
