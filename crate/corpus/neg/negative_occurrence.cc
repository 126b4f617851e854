(* expect: (ind-wf) positivity *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive lam : Type0 := abs : (lam -> lam) -> lam.
