(* expect: (ind-wf) conclusion *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive box (A : Type0) : Type0 := mk : A -> box nat.
