"""ktg-calculus: chord diagrams on (dotted) trivalent graph skeletons.

Stages, bottom up:
- skeleton: graph skeletons and their operations
- diagram / relations: chord diagrams and the 4T+VI quotients
- strand_algebra / graph_ops: strand algebras and the induced operations
- associator: pentagon/hexagon solving, properties and the dumbbell obstruction
"""

__version__ = "0.1.0"
