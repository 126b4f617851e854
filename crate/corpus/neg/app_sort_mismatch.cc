(* expect: (app) *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Check (fun (x : nat) => x) Prop.
