"""amrpara: syntactically diverse paraphrases by AMR graph re-rooting.

Parse PENMAN text, change a graph's focus while preserving its
undirected structure, linearize the result, drive external model
adapters to realize and filter paraphrases, and measure corpus
diversity.
"""

__version__ = "0.1.0"

from .graph import (  # noqa: F401
    AmrError,
    AmrGraph,
    GraphError,
    RoleError,
    Triple,
    Var,
    graph_equal,
    invert_role,
    normalize_edge,
    validate,
)
from .parser import PenmanSyntaxError, iter_blocks, parse_penman  # noqa: F401
from .refocus import FocusVariant, build_spanning_tree, enumerate_foci, linearize, refocus, variants  # noqa: F401
from .tree import Mention, TreeNode, serialize, token_stream  # noqa: F401
