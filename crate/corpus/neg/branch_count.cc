(* expect: (case) branch count *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition pred : nat -> nat :=
  fun (n : nat) => match n return nat with S p => p end.
