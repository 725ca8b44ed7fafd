"""weylspin: exact orders and spins of elliptic Weyl group representatives.

The package computes, for any reduced crystallographic root system and any
isogeny type of the corresponding semisimple group, whether representatives
of an elliptic Weyl group element w of order d have order d (spin +1) or 2d
(spin -1), together with the underlying torus-valued spin signature.
"""

from .rootsystem import CocharacterLattice, Root, RootSystem, RootSystemType, build
from .weyl import WeylElement, coxeter_element, minus_identity, random_element, reflection
from .tits import SpinResult, SpinSignature, TitsElement, lift, multiply, spin, spin_result, spin_signature
from .carter import (CarterDiagram, ClassRecord, diagram_of, enumerate_elliptic_classes,
                     predict_signature, verify_final_chart)

__version__ = "0.1.0"

__all__ = [
    "CocharacterLattice", "Root", "RootSystem", "RootSystemType", "build",
    "WeylElement", "coxeter_element", "minus_identity", "random_element", "reflection",
    "SpinResult", "SpinSignature", "TitsElement", "lift", "multiply", "spin",
    "spin_result", "spin_signature",
    "CarterDiagram", "ClassRecord", "diagram_of", "enumerate_elliptic_classes",
    "predict_signature", "verify_final_chart",
]
