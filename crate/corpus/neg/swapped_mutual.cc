(* expect: F guard *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint even / 1 : nat -> nat -> nat :=
  fun (n m : nat) => match n return nat with O => m | S p => odd p m end
with odd / 2 : nat -> nat -> nat :=
  fun (n m : nat) => match n return nat with O => m | S p => even n p end.
