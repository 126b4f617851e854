(* expect: (ind-wf) positivity *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive bad : Type0 := mk : (bad -> nat) -> bad.
