(* expect: (ind-wf) arity *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive weird : nat := w : weird.
