(* A parameterised inductive whose constructor mentions another instance. *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive titi (x : Type1) : Type0 :=
  | Z1 : titi x
  | Z2 : titi nat -> titi x -> titi x.

Definition z : titi Type0 := Z2 Type0 (Z1 nat) (Z1 Type0).
