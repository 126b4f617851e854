(* expect: F guard *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint f / 1 : nat -> nat := fun (n : nat) => f n.
