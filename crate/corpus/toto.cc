(* An inductive family indexed over Type1, with no parameters. *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive toto : Type1 -> Type1 :=
  | Y1 : forall (x : Type1), toto x
  | Y2 : forall (x : Type1), toto nat -> toto x -> toto x.

Definition y : toto Type0 := Y2 Type0 (Y1 nat) (Y1 Type0).
