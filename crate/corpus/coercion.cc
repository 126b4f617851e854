(* Propositions used where a Type0 is expected. *)
Definition I : Type0 -> Type0 := fun (A : Type0) => A -> A.

Definition P : Prop := forall (a : Prop), a -> a.

Definition IP : Type0 := I P.

Definition IP_prop : Type0 := let p := (forall (a : Prop), a -> a) : Prop in I p.

Definition IP_type : Type0 := let p := (forall (a : Prop), a -> a) : Type0 in I p.

Definition idP : I P := fun (x : P) => x.

Check P : Type0.
Check Prop : Type1.
