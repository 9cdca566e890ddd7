from .bounds import vsrc_bounds
from .cactus import color_cactus
from .conflict import build_conflict_graph, verify_coloring
from .exact import chromatic_number, decide_vsrc2, vsrc_exact
from .graph import Graph, all_pairs_distances, cactus_decomposition, parse_graph
from .models import Coloring, ResultTable, RunRecord
from .workbench import VsrcWorkbench

package_version = "0.1.0"

_ = Graph
_ = parse_graph
_ = all_pairs_distances
_ = cactus_decomposition
_ = build_conflict_graph
_ = verify_coloring
_ = chromatic_number
_ = vsrc_exact
_ = decide_vsrc2
_ = color_cactus
_ = vsrc_bounds
_ = Coloring
_ = ResultTable
_ = RunRecord
_ = VsrcWorkbench
