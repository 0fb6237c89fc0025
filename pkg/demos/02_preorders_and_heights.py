"""
Pre-orders, their quotient poset and the height function
========================================================

Equivalent elements (x <= y and y <= x) are glued together; the height of
an element is its level when minimal classes are peeled off one layer at a
time.
"""

from deltafilt.preorder import Preorder, height, longest_chain_height, quotient, transitive_closure_check

## A pre-order with one equivalence class {w, v} below t
omega = Preorder.from_pairs(["w", "v", "t"], [("w", "v"), ("v", "w"), ("v", "t"), ("w", "t")])
q = quotient(omega)
print("classes:", q.classes)

h = height(omega)
print("heights:", h.values, "max height", h.max_height)
print("longest-chain formula agrees:", longest_chain_height(omega).values == h.values)

## Relations are not closed silently
broken = Preorder.from_pairs("xyz", [("x", "y"), ("y", "z")])
print("missing pairs:", transitive_closure_check(broken))
