(* expect: F guard *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint g / 1 : Type0 -> nat := fun (A : Type0) => g A.
