from .bubbles import BubbleError, BubbleSeries, bubble_convolution, solve_fake_bubbles
from .diagrams import (
    DiagramTypeError,
    OneMorWord,
    StringDiagram,
    diagram_degree,
    one_mor_weight,
    swap_layers,
)
from .certify import (
    CandidateAction,
    CandidateError,
    CertReport,
    OperatorTable,
    certify,
    ground_truth_action,
    perturb,
)
from .fixture import FixtureError, parse_candidate, print_candidate
