(* expect: (ind-wf) names *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive other : Type0 := O : other.
